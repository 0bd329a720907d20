import { Component, OnInit } from '@angular/core';
import { ActivatedRoute } from '@angular/router';
import { filter } from 'rxjs/operators';
import { Feed } from './feed';

@Component({
  selector: 'app-feed',
  template: '<ul></ul>',
})
export class FeedComponent implements OnInit {
  id = 0;
  posts: string[] = [];

  constructor(private route: ActivatedRoute, private feed: Feed) {}

  ngOnInit() {
    this.route.params.subscribe(p => (this.id = +p['id']));
    this.feed.posts$
      .pipe(
        filter(p => p.length > 0),
      )
      .subscribe(p => (this.posts = p));
  }
}
