import { Component, OnDestroy, OnInit } from '@angular/core';
import { Subject } from 'rxjs';
import { takeUntil } from 'rxjs/operators';
import { Chat } from './chat';

@Component({ selector: 'app-chat', template: '' })
export class ChatComponent implements OnInit, OnDestroy {
  private unsubscribe$ = new Subject<void>();
  messages: string[] = [];
  typing = false;

  constructor(private chat: Chat) {}

  ngOnInit() {
    this.chat.messages$.pipe(takeUntil(this.unsubscribe$)).subscribe(m => (this.messages = m));
    this.chat.typing$.subscribe(t => (this.typing = t));
  }

  ngOnDestroy() {
    this.unsubscribe$.next();
    this.unsubscribe$.complete();
  }
}
