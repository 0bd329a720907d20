import { Component, OnInit } from '@angular/core';
import { ActivatedRoute } from '@angular/router';
import { filter } from 'rxjs/operators';
import { Feed } from './feed';
import { Subject, takeUntil } from 'rxjs';

@Component({
  selector: 'app-feed',
  template: '<ul></ul>',
})
export class FeedComponent implements OnInit {
  private readonly destroy$ = new Subject<void>();
  id = 0;
  posts: string[] = [];

  constructor(private route: ActivatedRoute, private feed: Feed) {}

  ngOnInit() {
    this.route.params.pipe(takeUntil(this.destroy$)).subscribe(p => (this.id = +p['id']));
    this.feed.posts$
      .pipe(
        filter(p => p.length > 0),
        takeUntil(this.destroy$),
      )
      .subscribe(p => (this.posts = p));
  }

  ngOnDestroy() {
    this.destroy$.next();
    this.destroy$.complete();
  }
}
